//! Counting the factorizations behind vertex reembedding.
//!
//! For a fixed permutation `D` of cycle type `lambda` on `n` symbols, let
//! `p_k^lambda(n)` be the number of permutations `pi` with `k` cycles such
//! that `D . pi` is one `n`-cycle — equivalently, the number of cyclic
//! plane permutations `(s, pi)` with diagonal `D` whose `pi` has `k`
//! cycles. These counts drive everything in [`crate::reembed`]: the local
//! genus distribution of a degree-`d` vertex is a `p_k^lambda(d)` table
//! read off against the local diagonal.
//!
//! The module computes the table three independent ways:
//!
//! * [`pk_oracle`] — brute force over all `(n - 1)!` long cycles;
//! * [`pk_recurrence`] — a two-term recurrence descending from the
//!   maximal `k`, whose base case is the closed form
//!   [`pk_max_closed_form`];
//! * [`p1_stanley`] — an alternating-sum formula for the `k = 1` entry
//!   alone.
//!
//! Agreement of the three is asserted wholesale in [`crate::selftest`].
//! Exact two-sided bounds for the `k = 1` entry ([`zagier_bounds`]) and a
//! closed form for the reversal rotation ([`r_nu_closed_form`]) round the
//! module out.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::par::map_merge;
use crate::perm::{next_permutation, CycleType};

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= BigUint::from(i);
    }
    f
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Number of permutations of `n` symbols with cycle type `lambda`:
/// `n! / prod_i (i^{a_i} a_i!)` where `a_i` is the multiplicity of `i`.
pub fn q_lambda(lambda: &CycleType) -> BigUint {
    let mut denom = BigUint::one();
    for (i, &a) in lambda.multiplicities().iter().enumerate() {
        if a > 0 {
            denom *= BigUint::from(i + 1).pow(a as u32) * factorial(a);
        }
    }
    let num = factorial(lambda.n());
    debug_assert!((&num % &denom).is_zero());
    num / denom
}

/// All distinct cycle types obtained from `eta` by splitting one part
/// into `pieces` positive parts. `pieces` must be odd and at least 3.
pub fn splits(eta: &CycleType, pieces: usize) -> Result<Vec<CycleType>> {
    if pieces < 3 || pieces % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "a part must be split into an odd number (>= 3) of pieces, got {pieces}"
        )));
    }
    let mut out = BTreeSet::new();
    let distinct: BTreeSet<usize> = eta.parts().iter().copied().collect();
    for &v in &distinct {
        if v < pieces {
            continue;
        }
        for sub in partitions_into(v, pieces) {
            let mut parts: Vec<usize> = eta.parts().to_vec();
            let pos = parts.iter().position(|&p| p == v).expect("part present");
            parts.remove(pos);
            parts.extend(sub);
            out.insert(CycleType::from_parts(parts).expect("parts positive"));
        }
    }
    Ok(out.into_iter().collect())
}

/// Partitions of `v` into exactly `m` positive parts, each as a
/// non-increasing part list.
fn partitions_into(v: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, slots: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // Each remaining slot needs at least 1.
        let hi = max.min(remaining.saturating_sub(slots - 1));
        for part in (1..=hi).rev() {
            prefix.push(part);
            rec(remaining - part, slots - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m >= 1 && v >= m {
        rec(v, m, v, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of distinct ways to merge `l(mu) - l(eta) + 1` parts of `mu`
/// into one part so that the resulting multiset of parts is `eta`.
/// Zero when no merge works (in particular when the two types partition
/// different integers).
pub fn kappa(mu: &CycleType, eta: &CycleType) -> BigUint {
    if mu.n() != eta.n() || mu.num_parts() < eta.num_parts() {
        return BigUint::zero();
    }
    let t = mu.num_parts() - eta.num_parts() + 1;
    // Distinct part values of mu with multiplicities.
    let values: Vec<(usize, usize)> = {
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in mu.parts() {
            *map.entry(p).or_insert(0) += 1;
        }
        map.into_iter().collect()
    };
    let mut total = BigUint::zero();
    // Choose how many copies of each distinct value go into the merged
    // set; a sub-multiset of size t.
    let mut chosen = vec![0usize; values.len()];
    enumerate_submultisets(&values, t, 0, &mut chosen, &mut |chosen| {
        let sum: usize = values
            .iter()
            .zip(chosen.iter())
            .map(|(&(v, _), &c)| v * c)
            .sum();
        // Result of the merge: mu minus the chosen parts, plus one part `sum`.
        let mut parts: Vec<usize> = Vec::with_capacity(eta.num_parts());
        parts.push(sum);
        for (&(v, a), &c) in values.iter().zip(chosen.iter()) {
            parts.extend(std::iter::repeat(v).take(a - c));
        }
        let merged = CycleType::from_parts(parts).expect("parts positive");
        if merged == *eta {
            let mut ways = BigUint::one();
            for (&(_, a), &c) in values.iter().zip(chosen.iter()) {
                ways *= binomial(a, c);
            }
            total += ways;
        }
    });
    total
}

/// Visits every way to pick `left` elements from the tail
/// `values[idx..]`, counted with multiplicity caps.
fn enumerate_submultisets(
    values: &[(usize, usize)],
    left: usize,
    idx: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if idx == values.len() {
        if left == 0 {
            visit(chosen);
        }
        return;
    }
    let (_, avail) = values[idx];
    for c in 0..=avail.min(left) {
        chosen[idx] = c;
        enumerate_submultisets(values, left - c, idx + 1, chosen, visit);
    }
    chosen[idx] = 0;
}

/// The full table of `p_k^lambda(n)` for one cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    lambda: CycleType,
    counts: BTreeMap<usize, BigUint>,
}

impl CountTable {
    /// Cycle type the table belongs to.
    pub fn lambda(&self) -> &CycleType {
        &self.lambda
    }

    /// Ground set size `n`.
    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    /// Largest `k` with a nonzero count: `n + 1 - l(lambda)`.
    pub fn k_max(&self) -> usize {
        self.lambda.n() + 1 - self.lambda.num_parts()
    }

    /// The count for `k` cycles (zero when absent).
    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(&k).cloned().unwrap_or_else(BigUint::zero)
    }

    /// All nonzero counts, keyed by `k`.
    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    /// Checks the unconditional invariants of a table: counts sum to
    /// `(n - 1)!`, the support is exactly every second `k` from 1 or 2 up
    /// to `k_max`, and the top entry matches its closed form.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let k_max = self.k_max();
        let total: BigUint = self.counts.values().sum();
        if total != factorial(n - 1) {
            return Err(Error::MethodDisagreement(format!(
                "counts for {} sum to {total}, want ({n} - 1)!",
                self.lambda
            )));
        }
        let lo = if k_max % 2 == 0 { 2 } else { 1 };
        for k in (lo..=k_max).step_by(2) {
            if self.get(k).is_zero() {
                return Err(Error::MethodDisagreement(format!(
                    "count for k = {k} of {} is zero inside the support",
                    self.lambda
                )));
            }
        }
        for (&k, v) in &self.counts {
            if v.is_zero() || k > k_max || k < lo || (k_max - k) % 2 != 0 {
                return Err(Error::MethodDisagreement(format!(
                    "stray entry k = {k} in table for {}",
                    self.lambda
                )));
            }
        }
        if self.get(k_max) != pk_max_closed_form(&self.lambda) {
            return Err(Error::MethodDisagreement(format!(
                "top entry of {} disagrees with its closed form",
                self.lambda
            )));
        }
        Ok(())
    }

    /// Tab-separated rendering, one `k<TAB>count` line per nonzero entry,
    /// `k` ascending.
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.counts {
            out.push_str(&format!("{k}\t{v}\n"));
        }
        out
    }
}

/// Brute-force table: walks all `(n - 1)!` long cycles `s` on `[n]`,
/// forms `pi = D^-1 . s` against a fixed representative `D` of type
/// `lambda`, and tallies the cycle count of `pi`.
///
/// `parallel` splits the walk by the image of symbol 1 across the rayon
/// pool (when the `parallel` feature is on); the tallies merge by
/// addition, so both modes return identical tables.
pub fn pk_oracle(lambda: &CycleType, caps: &Caps, parallel: bool) -> Result<CountTable> {
    let n = lambda.n();
    caps.check_pk_n(n)?;
    if n == 1 {
        let mut counts = BTreeMap::new();
        counts.insert(1, BigUint::one());
        return Ok(CountTable {
            lambda: lambda.clone(),
            counts,
        });
    }

    // Representative D of type lambda on 0-based symbols: consecutive
    // blocks, one per part. d_inv[D(x)] = x.
    let mut d_inv = vec![0usize; n];
    let mut start = 0;
    for &part in lambda.parts() {
        for i in 0..part {
            let x = start + i;
            let dx = start + (i + 1) % part;
            d_inv[dx] = x;
        }
        start += part;
    }

    // Branch on a = s(0); each branch walks the (n - 2)! orders of the
    // remaining symbols.
    let branches: Vec<usize> = (1..n).collect();
    let work = |a: usize| -> Vec<u64> {
        let mut tally = vec![0u64; n + 1];
        let mut rest: Vec<usize> = (1..n).filter(|&x| x != a).collect();
        let mut s_img = vec![0usize; n];
        let mut seen = vec![0u32; n];
        let mut epoch = 0u32;
        loop {
            // The long cycle (0, a, rest...), as images.
            s_img[0] = a;
            let mut prev = a;
            for &x in &rest {
                s_img[prev] = x;
                prev = x;
            }
            s_img[prev] = 0;
            // Count cycles of pi = D^-1 . s without materializing it.
            epoch += 1;
            let mut cycles = 0usize;
            for x0 in 0..n {
                if seen[x0] != epoch {
                    cycles += 1;
                    let mut x = x0;
                    while seen[x] != epoch {
                        seen[x] = epoch;
                        x = d_inv[s_img[x]];
                    }
                }
            }
            tally[cycles] += 1;
            if !next_permutation(&mut rest) {
                break;
            }
        }
        tally
    };
    let merge = |mut acc: Vec<u64>, item: Vec<u64>| {
        for (a, b) in acc.iter_mut().zip(item) {
            *a += b;
        }
        acc
    };
    let tally = map_merge(branches, parallel, work, merge, vec![0u64; n + 1]);

    let counts: BTreeMap<usize, BigUint> = tally
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k, BigUint::from(c)))
        .collect();
    Ok(CountTable {
        lambda: lambda.clone(),
        counts,
    })
}

/// Sequential twin of [`pk_oracle`]; used for determinism checks and the
/// comparison bench.
pub fn pk_oracle_sequential(lambda: &CycleType, caps: &Caps) -> Result<CountTable> {
    pk_oracle(lambda, caps, false)
}

/// Closed form for the top entry `p_{n + 1 - l(lambda)}^lambda(n)`:
/// `(n - 1)! . prod_j j^{a_j} / (n + 1 - l(lambda))!`.
pub fn pk_max_closed_form(lambda: &CycleType) -> BigUint {
    let n = lambda.n();
    let ell = lambda.num_parts();
    let mut num = factorial(n - 1);
    for (i, &a) in lambda.multiplicities().iter().enumerate() {
        if a > 0 {
            num *= BigUint::from(i + 1).pow(a as u32);
        }
    }
    let denom = factorial(n + 1 - ell);
    debug_assert!((&num % &denom).is_zero(), "top closed form not integral");
    num / denom
}

static RECURRENCE_MEMO: OnceLock<Mutex<HashMap<CycleType, Arc<CountTable>>>> = OnceLock::new();

/// Full table by recurrence, memoized per cycle type.
///
/// Descending from the closed-form top entry, each lower count satisfies
///
/// ```text
/// p_k = [ sum_{i>=1} C(k+2i, k-1) p_{k+2i} q^lambda
///       + sum_{i>=1} sum_{mu: one part of lambda split into 2i+1}
///               kappa(mu, lambda) p_k^mu q^mu ]
///       / ( q^lambda (n + 1 - k - l(lambda)) )
/// ```
///
/// with every division exact. The recursion over split types terminates
/// because each split strictly increases the number of parts.
pub fn pk_recurrence(lambda: &CycleType) -> Result<Arc<CountTable>> {
    let memo = RECURRENCE_MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(table) = memo.lock().expect("memo lock").get(lambda) {
        return Ok(table.clone());
    }

    let n = lambda.n();
    let ell = lambda.num_parts();
    let k_max = n + 1 - ell;
    let q_l = q_lambda(lambda);
    let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
    counts.insert(k_max, pk_max_closed_form(lambda));

    // Split-type tables (computed outside our own descent, recursively).
    let mut split_terms: Vec<(BigUint, Arc<CountTable>)> = Vec::new();
    for i in 1..=(n.saturating_sub(ell)) / 2 {
        for mu in splits(lambda, 2 * i + 1)? {
            let coeff = kappa(&mu, lambda) * q_lambda(&mu);
            split_terms.push((coeff, pk_recurrence(&mu)?));
        }
    }

    let mut k = k_max;
    while k > 2 {
        k -= 2;
        let mut num = BigUint::zero();
        for i in 1..=(k_max - k) / 2 {
            num += binomial(k + 2 * i, k - 1) * &counts[&(k + 2 * i)] * &q_l;
        }
        for (coeff, table) in &split_terms {
            num += coeff * table.get(k);
        }
        let denom = &q_l * BigUint::from(k_max - k);
        if (&num % &denom) != BigUint::zero() {
            return Err(Error::InexactDivision(format!(
                "recurrence for {lambda} at k = {k}: {num} / {denom}"
            )));
        }
        let value = num / denom;
        debug_assert!(!value.is_zero());
        counts.insert(k, value);
    }

    let table = Arc::new(CountTable {
        lambda: lambda.clone(),
        counts,
    });
    memo.lock()
        .expect("memo lock")
        .entry(lambda.clone())
        .or_insert_with(|| table.clone());
    Ok(table)
}

/// Binomial `C(a_1 - 1, r)` where `a_1` may be zero: `C(-1, r) = (-1)^r`.
fn binom_shifted(a1: usize, r: usize) -> BigInt {
    if a1 == 0 {
        if r % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    } else {
        BigInt::from(binomial(a1 - 1, r))
    }
}

/// The `k = 1` count by the alternating-sum formula
///
/// ```text
/// p_1^lambda(n) = sum_{i=0}^{n-1} [ i! (n-1-i)! / n ]
///                 sum_{r: sum_j j r_j = i}
///                 C(a_1 - 1, r_1) C(a_2, r_2) ... C(a_i, r_i)
///                 (-1)^{r_2 + r_4 + ...}
/// ```
///
/// where `a_j` is the multiplicity of `j` in `lambda` and
/// `C(-1, r) = (-1)^r`. Returns zero for odd permutation types (where no
/// factorization into two long cycles exists).
pub fn p1_stanley(lambda: &CycleType) -> Result<BigUint> {
    let n = lambda.n();
    let mult = lambda.multiplicities();
    let a = |j: usize| -> usize {
        if j >= 1 && j <= n {
            mult[j - 1]
        } else {
            0
        }
    };

    let mut sum = BigRational::zero();
    for i in 0..n {
        // Inner sum over solutions of sum_j j r_j = i with j in 1..=i.
        let mut inner = BigInt::zero();
        let mut r = vec![0usize; i + 1];
        inner_solutions(i, i, &mut r, &mut |r| {
            let mut term = binom_shifted(a(1), r.get(1).copied().unwrap_or(0));
            if term.is_zero() {
                return;
            }
            let mut even_sum = 0usize;
            for j in 2..=i {
                let rj = r[j];
                if j % 2 == 0 {
                    even_sum += rj;
                }
                if rj > 0 {
                    term *= BigInt::from(binomial(a(j), rj));
                    if term.is_zero() {
                        return;
                    }
                }
            }
            if even_sum % 2 == 1 {
                term = -term;
            }
            inner += term;
        });
        if inner.is_zero() {
            continue;
        }
        let coeff = BigRational::new(
            BigInt::from(factorial(i) * factorial(n - 1 - i)),
            BigInt::from(n),
        );
        sum += coeff * BigRational::from_integer(inner);
    }

    if !sum.is_integer() {
        return Err(Error::InexactDivision(format!(
            "alternating sum for {lambda} is not an integer: {sum}"
        )));
    }
    let value = sum.to_integer();
    if value.is_negative() {
        return Err(Error::InexactDivision(format!(
            "alternating sum for {lambda} is negative: {value}"
        )));
    }
    Ok(value.to_biguint().expect("non-negative"))
}

/// Visits every non-negative solution of `sum_{j=1..=jmax} j r_j = left`.
fn inner_solutions(left: usize, jmax: usize, r: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if jmax == 0 {
        if left == 0 {
            visit(r);
        }
        return;
    }
    for rj in 0..=left / jmax {
        r[jmax] = rj;
        inner_solutions(left - jmax * rj, jmax - 1, r, visit);
    }
    r[jmax] = 0;
}

/// Number of one-face rotations of a degree-`d` vertex whose local
/// diagonal is the reversal `(v_1, v_d, v_{d-1}, ..., v_2)` against the
/// identity cut, which admits a closed form:
///
/// * `d` odd:          `2 (d-1)! / (d+1)`
/// * `d % 4 == 0`:     `2 (d-1)! / (d+1) . (1 - 1/C(d, d/2))`
/// * `d` even, `4∤d`:  `2 (d-1)! / (d+1) . (1 + 1/C(d, d/2))`
///
/// Defined for `d >= 3`.
pub fn r_nu_closed_form(d: usize) -> Result<BigUint> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "reversal closed form needs degree >= 3, got {d}"
        )));
    }
    let base = BigRational::new(
        BigInt::from(2u32) * BigInt::from(factorial(d - 1)),
        BigInt::from(d + 1),
    );
    let value = if d % 2 == 1 {
        base
    } else {
        let c = BigRational::from_integer(BigInt::from(binomial(d, d / 2)));
        let correction = if d % 4 == 0 {
            BigRational::one() - c.recip()
        } else {
            BigRational::one() + c.recip()
        };
        base * correction
    };
    if !value.is_integer() {
        return Err(Error::InexactDivision(format!(
            "reversal closed form for d = {d} is not an integer: {value}"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("positive"))
}

/// Exact two-sided bounds for the `k = 1` count:
///
/// ```text
/// 2 (n-1)! / (n - a_1 + 2)  <=  p_1^lambda(n)  <=  2 (n-1)! / (n - a_1 + 19/29)
/// ```
///
/// where `a_1` is the number of fixed points of the type. The count is
/// nonzero only for even permutation types (`n` and `l(lambda)` of equal
/// parity); other types are rejected with [`Error::ParityExcluded`].
pub fn zagier_bounds(lambda: &CycleType) -> Result<(BigRational, BigRational)> {
    let n = lambda.n();
    let ell = lambda.num_parts();
    if (n.wrapping_sub(ell)) % 2 != 0 {
        return Err(Error::ParityExcluded(format!(
            "{lambda} is an odd permutation type; no factorization into two long cycles exists"
        )));
    }
    let a1 = lambda.multiplicity(1);
    let two_fact = BigRational::from_integer(BigInt::from(2u32) * BigInt::from(factorial(n - 1)));
    let lower = &two_fact / BigRational::from_integer(BigInt::from(n - a1 + 2));
    let upper = &two_fact
        / (BigRational::from_integer(BigInt::from(n - a1))
            + BigRational::new(BigInt::from(19), BigInt::from(29)));
    Ok((lower, upper))
}
