//! Permutations on `{1, ..., n}`, their cycle types, and set partitions.
//!
//! Everything else in this crate is built on exact permutation arithmetic,
//! so this module is deliberately small and strict: ground sets are always
//! the contiguous range `1..=n`, constructors validate bijectivity, and all
//! canonical forms (cycle lists, partitions) are deterministic. Inputs with
//! arbitrary labels are mapped through a label table at parse time, see
//! [`Permutation::parse_cycles_relabeled`].
//!
//! Composition follows the "right factor acts first" convention:
//! `compose(p, q)` is the permutation `x -> p(q(x))`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored as its image list.
///
/// `images[i]` is the image of `i + 1`; all values are in `1..=n` and
/// pairwise distinct. The ground set is never empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `{1, ..., n}`.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(Permutation {
            images: (1..=n).collect(),
        })
    }

    /// Builds a permutation from its image list (`images[i]` is the image
    /// of `i + 1`). Rejects empty, out-of-range and duplicate entries.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::LabelOutOfRange { label: v, n });
            }
            if seen[v] {
                return Err(Error::DuplicateLabel(v));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation on `1..=n` from a list of disjoint cycles.
    /// Labels absent from every cycle are fixed points.
    pub fn from_cycles(cycles: &[Vec<usize>], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n + 1];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
                if seen[x] {
                    return Err(Error::DuplicateLabel(x));
                }
                seen[x] = true;
                let y = cycle[(i + 1) % cycle.len()];
                images[x - 1] = y;
            }
        }
        Ok(Permutation { images })
    }

    /// Ground set size `n`.
    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// Read-only view of the image list (`images[i]` is the image of `i+1`).
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `x -> self(other(x))`: the right factor acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let images = other.images.iter().map(|&y| self.images[y - 1]).collect();
        Ok(Permutation { images })
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Disjoint cycles in canonical form: every cycle starts at its
    /// smallest element and cycles are sorted by that element. Fixed
    /// points appear as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn num_cycles(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        count
    }

    /// Cycle type as a partition of `n`.
    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    /// The set partition of `1..=n` into cycle supports.
    pub fn partition(&self) -> SetPartition {
        SetPartition::from_blocks_unchecked(
            self.cycles()
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c
                })
                .collect(),
            self.size(),
        )
    }

    /// True when every element is fixed.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// True when the permutation is an involution without fixed points,
    /// i.e. a perfect matching on the ground set.
    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v != i + 1 && self.images[v - 1] == i + 1)
    }

    /// Parses whitespace-separated cycle notation such as `(1 5 4) (2 3)`.
    ///
    /// Labels must form the contiguous range `1..=n`. When `n` is given,
    /// labels absent from the text become fixed points; without `n` the
    /// ground set is inferred from the largest label and every label must
    /// be mentioned.
    pub fn parse_cycles(text: &str, n: Option<usize>) -> Result<Permutation> {
        let (cycles, labels) = lex_cycles(text)?;
        let max = *labels.iter().next_back().ok_or(Error::EmptyGroundSet)?;
        let n = match n {
            Some(n) => {
                if max > n {
                    return Err(Error::LabelOutOfRange { label: max, n });
                }
                n
            }
            None => {
                if labels.len() != max {
                    let missing = (1..=max).find(|x| !labels.contains(x)).unwrap();
                    return Err(Error::MalformedCycles(format!(
                        "label {missing} missing; fixed points may be omitted only when the ground-set size is supplied"
                    )));
                }
                max
            }
        };
        Permutation::from_cycles(&cycles, n)
    }

    /// Parses cycle notation over arbitrary distinct positive labels,
    /// relabeling them onto `1..=n` in increasing order. Returns the
    /// permutation together with the label table (`table[i - 1]` is the
    /// external label of internal `i`).
    pub fn parse_cycles_relabeled(text: &str) -> Result<(Permutation, Vec<usize>)> {
        let (cycles, labels) = lex_cycles(text)?;
        let table: Vec<usize> = labels.into_iter().collect();
        let index = |x: usize| table.binary_search(&x).unwrap() + 1;
        let relabeled: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| c.iter().map(|&x| index(x)).collect())
            .collect();
        let perm = Permutation::from_cycles(&relabeled, table.len())?;
        Ok((perm, table))
    }

    /// Canonical cycle notation, fixed points included: `(1 5 4)(2 3)(6)`.
    pub fn format_cycles(&self) -> String {
        self.format_cycles_with(|x| x.to_string())
    }

    /// Cycle notation with each internal label rendered through `label`,
    /// used to print objects that live on a relabeled ground set.
    pub fn format_cycles_with(&self, label: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        for cycle in self.cycles() {
            out.push('(');
            for (i, &x) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&label(x));
            }
            out.push(')');
        }
        out
    }

    /// All permutations of `{1, ..., n}` in lexicographic image order.
    /// Intended for exhaustive tests on small `n`.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut first = n > 0;
        std::iter::from_fn(move || {
            if first {
                first = false;
                return Some(Permutation {
                    images: images.clone(),
                });
            }
            if next_permutation(&mut images) {
                Some(Permutation {
                    images: images.clone(),
                })
            } else {
                None
            }
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.format_cycles())
    }
}

/// Splits cycle notation into label lists and collects the label set.
fn lex_cycles(text: &str) -> Result<(Vec<Vec<usize>>, BTreeSet<usize>)> {
    let mut cycles = Vec::new();
    let mut labels = BTreeSet::new();
    let mut current: Option<Vec<usize>> = None;
    let mut token = String::new();
    let mut flush =
        |current: &mut Option<Vec<usize>>, token: &mut String| -> Result<()> {
            if token.is_empty() {
                return Ok(());
            }
            let x: usize = token
                .parse()
                .map_err(|_| Error::InvalidNumber(token.clone()))?;
            token.clear();
            if x == 0 {
                return Err(Error::LabelOutOfRange { label: 0, n: 0 });
            }
            match current {
                Some(c) => {
                    if !labels.insert(x) {
                        return Err(Error::DuplicateLabel(x));
                    }
                    c.push(x);
                    Ok(())
                }
                None => Err(Error::MalformedCycles(format!(
                    "label {x} outside parentheses"
                ))),
            }
        };
    for ch in text.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(Error::MalformedCycles("nested '('".into()));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut current, &mut token)?;
                match current.take() {
                    Some(c) if c.is_empty() => {
                        return Err(Error::MalformedCycles("empty cycle".into()))
                    }
                    Some(c) => cycles.push(c),
                    None => return Err(Error::MalformedCycles("unmatched ')'".into())),
                }
            }
            c if c.is_ascii_digit() => token.push(c),
            c if c.is_whitespace() || c == ',' => flush(&mut current, &mut token)?,
            other => {
                return Err(Error::MalformedCycles(format!(
                    "unexpected character {other:?}"
                )))
            }
        }
    }
    if current.is_some() {
        return Err(Error::MalformedCycles("unclosed '('".into()));
    }
    if cycles.is_empty() {
        return Err(Error::MalformedCycles("no cycles".into()));
    }
    Ok((cycles, labels))
}

/// Advances `a` to the lexicographically next permutation of its entries,
/// returning false (and leaving `a` sorted ascending) after the last one.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// An integer partition recording the cycle lengths of a permutation.
/// Parts are stored in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    /// Builds a cycle type from parts in any order; zero parts are
    /// rejected, as is the empty partition.
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    /// Parses a comma-separated part list such as `3,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidNumber(tok.to_string()))
            })
            .collect::<Result<Vec<usize>>>()?;
        CycleType::from_parts(parts)
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned (sum of parts).
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Multiplicity vector `m` with `m[i - 1]` the number of parts equal
    /// to `i`, for `i` in `1..=n`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let n = self.n();
        let mut m = vec![0usize; n];
        for &p in &self.parts {
            m[p - 1] += 1;
        }
        m
    }

    /// All partitions of `n` in descending lexicographic order.
    pub fn partitions_of(n: usize) -> Vec<CycleType> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if remaining == 0 {
                out.push(CycleType {
                    parts: prefix.clone(),
                });
                return;
            }
            for part in (1..=remaining.min(max)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({self})")
    }
}

/// A partition of `{1, ..., n}` into non-empty blocks, kept in canonical
/// form: each block sorted ascending, blocks ordered by smallest element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition after checking that the blocks are disjoint and
    /// cover `1..=n` exactly.
    pub fn from_blocks(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidBlocks("empty block".into()));
            }
            for &x in block {
                if x == 0 || x > n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
                if seen[x] {
                    return Err(Error::DuplicateLabel(x));
                }
                seen[x] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::InvalidBlocks(format!(
                "blocks cover {count} of {n} elements"
            )));
        }
        Ok(Self::from_blocks_unchecked(
            blocks
                .into_iter()
                .map(|mut b| {
                    b.sort_unstable();
                    b
                })
                .collect(),
            n,
        ))
    }

    /// Canonicalizes pre-validated blocks.
    fn from_blocks_unchecked(mut blocks: Vec<Vec<usize>>, n: usize) -> Self {
        blocks.sort_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// Ground set size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks in canonical order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The block containing `x`, if `x` is in range.
    pub fn block_containing(&self, x: usize) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&x).is_ok())
            .map(|b| b.as_slice())
    }

    /// True when `set` (sorted ascending) is one of the blocks.
    pub fn has_block(&self, set: &[usize]) -> bool {
        self.blocks.iter().any(|b| b.as_slice() == set)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            f.write_str("{")?;
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, Some(n)).unwrap()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let p = perm("(1 3 2)", 3);
        let q = perm("(1 2 3)", 3);
        assert!(p.compose(&q).unwrap().is_identity());

        let p = perm("(1 2)(3 4)", 4);
        let q = perm("(1 3 2 4)", 4);
        let r = p.compose(&q).unwrap();
        assert_eq!(r.apply(1), 4);
        assert_eq!(r.apply(3), 1);
        assert_eq!(r.apply(2), 3);
        assert_eq!(r.apply(4), 2);
        assert_eq!(r.format_cycles(), "(1 4 2 3)");
    }

    #[test]
    fn compose_requires_equal_sizes() {
        let p = Permutation::identity(3).unwrap();
        let q = Permutation::identity(4).unwrap();
        assert_eq!(
            p.compose(&q),
            Err(Error::SizeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn from_images_validates() {
        assert_eq!(
            Permutation::from_images(vec![]),
            Err(Error::EmptyGroundSet)
        );
        assert_eq!(
            Permutation::from_images(vec![1, 1]),
            Err(Error::DuplicateLabel(1))
        );
        assert_eq!(
            Permutation::from_images(vec![1, 3]),
            Err(Error::LabelOutOfRange { label: 3, n: 2 })
        );
    }

    #[test]
    fn cycles_are_canonical() {
        let p = perm("(5 1 4 10)(3 8 6 12 11 9 2)", 12);
        assert_eq!(
            p.format_cycles(),
            "(1 4 10 5)(2 3 8 6 12 11 9)(7)"
        );
        // Every cycle starts at its min; cycles sorted by min; fixed point shown.
        let cycles = p.cycles();
        assert_eq!(cycles[0][0], 1);
        assert_eq!(cycles[1][0], 2);
        assert_eq!(cycles[2], vec![7]);
    }

    #[test]
    fn parse_rejects_duplicates_and_junk() {
        assert_eq!(
            Permutation::parse_cycles("(1 1)", None),
            Err(Error::DuplicateLabel(1))
        );
        assert!(matches!(
            Permutation::parse_cycles("(1 2", None),
            Err(Error::MalformedCycles(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("1 2)", None),
            Err(Error::MalformedCycles(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("()", None),
            Err(Error::MalformedCycles(_))
        ));
        // Without an explicit n, omitted labels are an error...
        assert!(matches!(
            Permutation::parse_cycles("(1 3)", None),
            Err(Error::MalformedCycles(_))
        ));
        // ...with it, they become fixed points.
        let p = Permutation::parse_cycles("(1 3)", Some(3)).unwrap();
        assert_eq!(p.apply(2), 2);
    }

    #[test]
    fn parse_accepts_commas_between_labels() {
        let p = Permutation::parse_cycles("(1,5,4,10)(2,3,8,6,12,11,9)(7)", None).unwrap();
        assert_eq!(p.apply(12), 11);
        assert_eq!(p.apply(7), 7);
    }

    #[test]
    fn relabeled_parse_builds_label_table() {
        let (p, table) = Permutation::parse_cycles_relabeled("(2 8)(3 6 11)(9 12)").unwrap();
        assert_eq!(table, vec![2, 3, 6, 8, 9, 11, 12]);
        assert_eq!(p.cycle_type(), CycleType::from_parts(vec![3, 2, 2]).unwrap());
        // External cycle (2 8) becomes internal (1 4).
        assert_eq!(p.apply(1), 4);
        assert_eq!(p.apply(4), 1);
    }

    #[test]
    fn inverse_and_compose_roundtrip_exhaustive_n5() {
        for p in Permutation::all(5) {
            let inv = p.inverse();
            assert!(p.compose(&inv).unwrap().is_identity());
            assert!(inv.compose(&p).unwrap().is_identity());
            assert_eq!(p.cycle_type(), inv.cycle_type());
            assert_eq!(p.num_cycles(), p.cycles().len());
        }
    }

    #[test]
    fn cycle_type_counts_and_partition_blocks_agree() {
        let p = perm("(1 5 4 10)(2 3 8 6 12 11 9)", 12);
        let t = p.cycle_type();
        assert_eq!(t.parts(), &[7, 4, 1]);
        assert_eq!(t.n(), 12);
        assert_eq!(t.num_parts(), 3);
        let par = p.partition();
        assert!(par.has_block(&[2, 3, 6, 8, 9, 11, 12]));
        assert!(par.has_block(&[7]));
        assert_eq!(par.num_blocks(), 3);
    }

    #[test]
    fn fixed_point_free_involution_detection() {
        assert!(perm("(1 2)(3 4)", 4).is_fixed_point_free_involution());
        assert!(!perm("(1 2)", 4).is_fixed_point_free_involution());
        assert!(!perm("(1 2 3 4)", 4).is_fixed_point_free_involution());
    }

    #[test]
    fn partitions_of_small_n() {
        assert_eq!(CycleType::partitions_of(4).len(), 5);
        assert_eq!(CycleType::partitions_of(8).len(), 22);
        let parts: Vec<String> = CycleType::partitions_of(4)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(parts, vec!["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn partition_multiplicities() {
        let t = CycleType::parse("3,1").unwrap();
        assert_eq!(t.multiplicity(1), 1);
        assert_eq!(t.multiplicity(3), 1);
        assert_eq!(t.multiplicities(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn set_partition_validation() {
        assert!(SetPartition::from_blocks(vec![vec![1, 2], vec![3]], 3).is_ok());
        assert_eq!(
            SetPartition::from_blocks(vec![vec![1, 2], vec![2, 3]], 3),
            Err(Error::DuplicateLabel(2))
        );
        assert!(matches!(
            SetPartition::from_blocks(vec![vec![1]], 2),
            Err(Error::InvalidBlocks(_))
        ));
    }

    #[test]
    fn all_permutations_has_factorial_size() {
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::all(1).count(), 1);
    }
}
