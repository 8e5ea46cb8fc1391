//! Arithmetic over `F_q^n`: vectors with weight semantics, coordinate
//! permutations, vector decompositions, exact sphere counting, and the small
//! amount of linear algebra the schemes need.
//!
//! All types are immutable values after construction and can be shared
//! between threads freely. The modulus `q` is restricted to primes up to 251
//! so that one byte encodes one symbol.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u8 = 251;

/// Returns true iff `q` is a prime in `[2, 251]`.
pub fn is_valid_modulus(q: u8) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u16;
    let q = q as u16;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(q: u8) -> Result<(), Error> {
    if is_valid_modulus(q) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(q as u16))
    }
}

/// Per-coordinate metric from which a vector weight is built, as
/// `wt(v) = sum_i d(v_i, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum WeightKind {
    /// `d(a, 0) = 0` iff `a = 0`, else 1; counts nonzero coordinates.
    Hamming,
    /// `d(a, 0) = min(a, q - a)`.
    Lee,
}

impl WeightKind {
    /// Distance of a single symbol to zero.
    pub fn symbol_distance(self, a: u8, q: u8) -> u32 {
        match self {
            WeightKind::Hamming => u32::from(a != 0),
            WeightKind::Lee => u32::from(a.min(q - a)),
        }
    }

    /// Largest distance a single symbol can contribute.
    pub fn max_symbol_distance(self, q: u8) -> u32 {
        match self {
            WeightKind::Hamming => 1,
            WeightKind::Lee => u32::from(q / 2),
        }
    }

    /// `counts[d]` = number of symbols of `F_q` at distance `d` from zero.
    pub fn symbol_counts(self, q: u8) -> Vec<u64> {
        let max = self.max_symbol_distance(q) as usize;
        let mut counts = vec![0u64; max + 1];
        for a in 0..q {
            counts[self.symbol_distance(a, q) as usize] += 1;
        }
        counts
    }
}

impl std::fmt::Display for WeightKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightKind::Hamming => write!(f, "hamming"),
            WeightKind::Lee => write!(f, "lee"),
        }
    }
}

/// Element of `F_q^n`, one byte per symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldVector {
    q: u8,
    entries: Vec<u8>,
}

impl FieldVector {
    /// Builds a vector, validating the modulus and every entry.
    pub fn new(q: u8, entries: Vec<u8>) -> Result<Self, Error> {
        check_modulus(q)?;
        if let Some(&bad) = entries.iter().find(|&&e| e >= q) {
            return Err(Error::SymbolOutOfRange { symbol: bad, q });
        }
        Ok(FieldVector { q, entries })
    }

    /// The all-zero vector of length `n`.
    pub fn zero(q: u8, n: usize) -> Self {
        FieldVector {
            q,
            entries: vec![0; n],
        }
    }

    /// Uniformly random vector.
    pub fn random<R: Rng + ?Sized>(q: u8, n: usize, rng: &mut R) -> Self {
        let entries = (0..n).map(|_| rng.gen_range(0..q)).collect();
        FieldVector { q, entries }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Canonical serialization: the raw symbol bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.entries
    }

    /// Inverse of [`FieldVector::as_bytes`].
    pub fn from_bytes(q: u8, bytes: &[u8]) -> Result<Self, Error> {
        FieldVector::new(q, bytes.to_vec())
    }

    fn check_compatible(&self, other: &Self) -> Result<(), Error> {
        if self.q != other.q {
            return Err(Error::InvalidModulus(other.q as u16));
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    /// Componentwise sum mod q.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_compatible(other)?;
        let q = u16::from(self.q);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((u16::from(a) + u16::from(b)) % q) as u8)
            .collect();
        Ok(FieldVector { q: self.q, entries })
    }

    /// Componentwise difference mod q.
    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check_compatible(other)?;
        let q = u16::from(self.q);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((u16::from(a) + q - u16::from(b)) % q) as u8)
            .collect();
        Ok(FieldVector { q: self.q, entries })
    }

    /// `wt(v) = sum_i d(v_i, 0)` for the chosen metric.
    pub fn weight(&self, kind: WeightKind) -> u32 {
        self.entries
            .iter()
            .map(|&e| kind.symbol_distance(e, self.q))
            .sum()
    }

    /// Histogram of symbol occurrences, `counts[i] = #{j : v_j = i}`.
    pub fn decompose(&self) -> Decomposition {
        let mut counts = vec![0u32; self.q as usize];
        for &e in &self.entries {
            counts[e as usize] += 1;
        }
        Decomposition { counts }
    }
}

/// Bijection on `[0, n)`. Applying `p` to `v` yields `out[i] = v[p(i)]`;
/// this single convention is used everywhere, with [`Permutation::inverse`]
/// available for the other direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    /// Validates that `mapping` is a bijection on `[0, n)`.
    pub fn new(mapping: Vec<usize>) -> Result<Self, Error> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(Error::NotBijection);
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            mapping.swap(i, j);
        }
        Permutation { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// `out[i] = v[p(i)]`. Preserves weight and decomposition.
    pub fn apply(&self, v: &FieldVector) -> Result<FieldVector, Error> {
        if self.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        let entries = self.mapping.iter().map(|&j| v.entries[j]).collect();
        Ok(FieldVector {
            q: v.q,
            entries,
        })
    }

    /// Permutation `r` with `r.apply(&p.apply(v)) == v`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { mapping: inv }
    }

    /// Composition satisfying `compose(p, r).apply(v) == p.apply(&r.apply(v))`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let mapping = self.mapping.iter().map(|&i| other.mapping[i]).collect();
        Ok(Permutation { mapping })
    }

    /// Canonical serialization: one byte per index. Requires `n <= 256`.
    pub fn to_bytes(&self) -> Result<Vec<u8>, Error> {
        if self.len() > 256 {
            return Err(Error::InvalidParameters(format!(
                "permutation on {} points does not fit one byte per index",
                self.len()
            )));
        }
        Ok(self.mapping.iter().map(|&m| m as u8).collect())
    }

    /// Inverse of [`Permutation::to_bytes`].
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, Error> {
        Permutation::new(bytes.iter().map(|&b| b as usize).collect())
    }
}

/// Histogram `(c_0, ..., c_{q-1})` of symbol occurrences in a vector.
/// Ordering is lexicographic on the counts, which fixes tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    counts: Vec<u32>,
}

impl Decomposition {
    pub fn new(counts: Vec<u32>) -> Self {
        Decomposition { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Length of the vectors this decomposition describes.
    pub fn n(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// Weight shared by every vector with this decomposition.
    pub fn weight(&self, kind: WeightKind) -> u32 {
        let q = self.counts.len() as u8;
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c * kind.symbol_distance(i as u8, q))
            .sum()
    }

    /// Number of vectors sharing this decomposition:
    /// `n! / (c_0! c_1! ... c_{q-1}!)`, exact.
    pub fn multinomial(&self) -> BigUint {
        let mut result = BigUint::one();
        let mut placed = 0u64;
        for &c in &self.counts {
            // multiply binom(placed + c, c) incrementally
            for j in 1..=u64::from(c) {
                placed += 1;
                result = result * BigUint::from(placed) / BigUint::from(j);
            }
        }
        result
    }

    /// The sorted-nondecreasing vector with this decomposition.
    pub fn canonical_vector(&self) -> FieldVector {
        let q = self.counts.len() as u8;
        let mut entries = Vec::with_capacity(self.n());
        for (symbol, &c) in self.counts.iter().enumerate() {
            entries.extend(std::iter::repeat(symbol as u8).take(c as usize));
        }
        FieldVector { q, entries }
    }
}

/// Number of vectors in `F_q^n` with the same decomposition; free-function
/// form of [`Decomposition::multinomial`].
pub fn multinomial(d: &Decomposition) -> BigUint {
    d.multinomial()
}

/// All decompositions of length-`n` vectors over `F_q` whose weight is `w`,
/// in lexicographic order of the count tuples.
pub fn weight_decompositions(n: usize, q: u8, w: u32, kind: WeightKind) -> Vec<Decomposition> {
    let mut out = Vec::new();
    let mut counts = vec![0u32; q as usize];
    fn recurse(
        counts: &mut Vec<u32>,
        symbol: usize,
        remaining_n: u32,
        remaining_w: i64,
        q: u8,
        kind: WeightKind,
        out: &mut Vec<Decomposition>,
    ) {
        if symbol == counts.len() {
            if remaining_n == 0 && remaining_w == 0 {
                out.push(Decomposition {
                    counts: counts.clone(),
                });
            }
            return;
        }
        let d = i64::from(kind.symbol_distance(symbol as u8, q));
        for c in 0..=remaining_n {
            let used = d * i64::from(c);
            if used > remaining_w {
                break;
            }
            counts[symbol] = c;
            recurse(
                counts,
                symbol + 1,
                remaining_n - c,
                remaining_w - used,
                q,
                kind,
                out,
            );
        }
        counts[symbol] = 0;
    }
    recurse(&mut counts, 0, n as u32, i64::from(w), q, kind, &mut out);
    out
}

/// Exact count of `{x in F_q^n : wt(x) = w}` via integer dynamic programming
/// over coordinates (convolving achievable per-symbol distances), avoiding
/// enumeration of the decomposition set.
pub fn sphere_size(n: usize, q: u8, w: u32, kind: WeightKind) -> BigUint {
    let symbol_counts = kind.symbol_counts(q);
    let cap = w as usize;
    let mut ways = vec![BigUint::zero(); cap + 1];
    ways[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); cap + 1];
        for (have, count) in ways.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for (d, &m) in symbol_counts.iter().enumerate() {
                if m == 0 || have + d > cap {
                    continue;
                }
                next[have + d] += count * BigUint::from(m);
            }
        }
        ways = next;
    }
    ways.pop().unwrap_or_default()
}

/// `log_2` of an exact big integer, good to f64 precision.
pub fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return (x.to_u64().expect("fits") as f64).log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().expect("53 bits fit");
    (top as f64).log2() + shift as f64
}

/// `log_2 |{x in F_q^n : wt(x) = w}|` in bits.
///
/// Errors with [`Error::EmptySphere`] when the count is zero.
pub fn sphere_size_log2(n: usize, q: u8, w: u32, kind: WeightKind) -> Result<f64, Error> {
    check_modulus(q)?;
    let count = sphere_size(n, q, w, kind);
    if count.is_zero() {
        return Err(Error::EmptySphere);
    }
    Ok(big_log2(&count))
}

/// Row-major matrix over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    q: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FieldMatrix {
    pub fn new(q: u8, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self, Error> {
        check_modulus(q)?;
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&e| e >= q) {
            return Err(Error::SymbolOutOfRange { symbol: bad, q });
        }
        Ok(FieldMatrix { q, rows, cols, data })
    }

    /// Uniformly random matrix.
    pub fn random<R: Rng + ?Sized>(q: u8, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
        FieldMatrix { q, rows, cols, data }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major serialization.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn from_bytes(q: u8, rows: usize, cols: usize, bytes: &[u8]) -> Result<Self, Error> {
        FieldMatrix::new(q, rows, cols, bytes.to_vec())
    }

    /// Matrix-vector product `H v`.
    pub fn mul_vector(&self, v: &FieldVector) -> Result<FieldVector, Error> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        if v.q() != self.q {
            return Err(Error::InvalidModulus(v.q() as u16));
        }
        let q = u64::from(self.q);
        let entries = (0..self.rows)
            .map(|r| {
                let acc: u64 = self
                    .row(r)
                    .iter()
                    .zip(v.entries())
                    .map(|(&h, &x)| u64::from(h) * u64::from(x))
                    .sum();
                (acc % q) as u8
            })
            .collect();
        Ok(FieldVector {
            q: self.q,
            entries,
        })
    }

    /// Gaussian elimination: returns a particular solution of `H x = s`
    /// (or `None` if the system is inconsistent) together with a basis of
    /// the kernel of `H`.
    pub fn solve(&self, s: &FieldVector) -> Result<(Option<FieldVector>, Vec<FieldVector>), Error> {
        if s.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: s.len(),
            });
        }
        let q = i64::from(self.q);
        let rows = self.rows;
        let cols = self.cols;
        // augmented matrix [H | s]
        let mut m: Vec<Vec<i64>> = (0..rows)
            .map(|r| {
                let mut row: Vec<i64> = self.row(r).iter().map(|&x| i64::from(x)).collect();
                row.push(i64::from(s.entries()[r]));
                row
            })
            .collect();

        let inv = |a: i64| -> i64 {
            // Fermat inverse, q prime
            let mut base = a.rem_euclid(q);
            let mut exp = q - 2;
            let mut acc = 1i64;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = acc * base % q;
                }
                base = base * base % q;
                exp >>= 1;
            }
            acc
        };

        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| m[r][col] % q != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let pinv = inv(m[rank][col]);
            for x in m[rank].iter_mut() {
                *x = (*x * pinv).rem_euclid(q);
            }
            for r in 0..rows {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..=cols {
                        m[r][c] = (m[r][c] - factor * m[rank][c]).rem_euclid(q);
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }

        // consistency
        let consistent = (rank..rows).all(|r| m[r][cols] == 0);
        let particular = if consistent {
            let mut x = vec![0u8; cols];
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = m[r][cols] as u8;
            }
            Some(FieldVector {
                q: self.q,
                entries: x,
            })
        } else {
            None
        };

        let mut kernel = Vec::new();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; cols];
            for &pc in &pivot_cols {
                v[pc] = true;
            }
            v
        };
        for free in 0..cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![0i64; cols];
            x[free] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                x[pc] = (-m[r][free]).rem_euclid(q);
            }
            kernel.push(FieldVector {
                q: self.q,
                entries: x.iter().map(|&v| v as u8).collect(),
            });
        }
        Ok((particular, kernel))
    }
}


#[cfg(test)]
mod tests {
    use super::tests_support::enumerate_vectors;
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn binom(n: u64, k: u64) -> BigUint {
        let mut r = BigUint::one();
        for j in 1..=k {
            r = r * BigUint::from(n - k + j) / BigUint::from(j);
        }
        r
    }

    #[test]
    fn weight_examples() {
        let v = FieldVector::new(5, vec![0, 0, 0, 0]).unwrap();
        assert_eq!(v.weight(WeightKind::Lee), 0);

        let v = FieldVector::new(5, vec![1, 4]).unwrap();
        assert_eq!(v.weight(WeightKind::Lee), 2); // min(1,4) + min(4,1)

        let v = FieldVector::new(5, vec![1, 0, 3]).unwrap();
        assert_eq!(v.weight(WeightKind::Hamming), 2);
    }

    #[test]
    fn modulus_validation() {
        assert!(FieldVector::new(4, vec![0]).is_err());
        assert!(FieldVector::new(1, vec![0]).is_err());
        assert!(FieldVector::new(251, vec![250]).is_ok());
        assert!(FieldVector::new(3, vec![3]).is_err());
    }

    #[test]
    fn identity_and_inverse_application() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let v = FieldVector::random(7, 12, &mut rng);
        let id = Permutation::identity(12);
        assert_eq!(id.apply(&v).unwrap(), v);

        let p = Permutation::random(12, &mut rng);
        let roundtrip = p.inverse().apply(&p.apply(&v).unwrap()).unwrap();
        assert_eq!(roundtrip, v);
    }

    #[test]
    fn apply_length_mismatch_is_error() {
        let v = FieldVector::new(3, vec![0, 1, 2]).unwrap();
        let p = Permutation::identity(4);
        assert!(p.apply(&v).is_err());
    }

    #[test]
    fn weight_preserved_on_random_pairs() {
        // direct recomputation oracle over 1000 random (p, v) pairs
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let q = *[2u8, 3, 5, 7, 13].iter().nth(rng.gen_range(0..5)).unwrap();
            let n = rng.gen_range(1..20);
            let v = FieldVector::random(q, n, &mut rng);
            let p = Permutation::random(n, &mut rng);
            let pv = p.apply(&v).unwrap();
            for kind in [WeightKind::Hamming, WeightKind::Lee] {
                assert_eq!(pv.weight(kind), v.weight(kind));
            }
            assert_eq!(pv.decompose(), v.decompose());
        }
    }

    #[test]
    fn decompose_examples() {
        let v = FieldVector::new(3, vec![0, 0, 1, 2]).unwrap();
        assert_eq!(v.decompose().counts(), &[2, 1, 1]);

        let z = FieldVector::zero(5, 9);
        assert_eq!(z.decompose().counts(), &[9, 0, 0, 0, 0]);
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(
            Decomposition::new(vec![4, 0, 0]).multinomial(),
            BigUint::one()
        );
        // oracle: enumerate all 3^4 vectors, count those with decomposition (2,1,1)
        let target = Decomposition::new(vec![2, 1, 1]);
        let count = enumerate_vectors(3, 4)
            .iter()
            .filter(|v| v.decompose() == target)
            .count();
        assert_eq!(count, 12);
        assert_eq!(target.multinomial(), BigUint::from(12u32));
    }

    #[test]
    fn multinomial_matches_enumeration_on_random_decompositions() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..20 {
            let q = if rng.gen_bool(0.5) { 2u8 } else { 3 };
            let n = rng.gen_range(1..=6usize);
            let v = FieldVector::random(q, n, &mut rng);
            let d = v.decompose();
            let count = enumerate_vectors(q, n)
                .iter()
                .filter(|u| u.decompose() == d)
                .count();
            assert_eq!(BigUint::from(count), d.multinomial());
        }
    }

    #[test]
    fn counting_identities() {
        // sum over all decompositions of multinomials equals q^n, and the
        // number of decompositions is binom(n+q-1, q-1)
        for q in [2u8, 3] {
            for n in 1..=6usize {
                let all: Vec<Decomposition> = enumerate_vectors(q, n)
                    .iter()
                    .map(|v| v.decompose())
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let total: BigUint = all.iter().map(|d| d.multinomial()).sum();
                let qn = BigUint::from(q).pow(n as u32);
                assert_eq!(total, qn);
                assert_eq!(
                    BigUint::from(all.len()),
                    binom((n + q as usize - 1) as u64, (q - 1) as u64)
                );
            }
        }
    }

    #[test]
    fn sphere_size_examples() {
        // binom(4, 2) = 6 by enumeration
        assert_eq!(
            sphere_size(4, 2, 2, WeightKind::Hamming),
            BigUint::from(6u32)
        );
        assert_eq!(
            sphere_size_log2(4, 2, 2, WeightKind::Hamming).unwrap(),
            6f64.log2()
        );
        // w = 0: only the zero vector
        assert_eq!(sphere_size_log2(10, 7, 0, WeightKind::Lee).unwrap(), 0.0);
        // brute-force oracle over all 5^3 vectors, Lee metric
        let brute = enumerate_vectors(5, 3)
            .iter()
            .filter(|v| v.weight(WeightKind::Lee) == 2)
            .count();
        assert_eq!(sphere_size(3, 5, 2, WeightKind::Lee), BigUint::from(brute));
        assert_eq!(
            sphere_size_log2(3, 5, 2, WeightKind::Lee).unwrap(),
            (brute as f64).log2()
        );
    }

    #[test]
    fn sphere_size_matches_enumeration_exactly() {
        for q in [2u8, 3, 5] {
            for n in 1..=5usize {
                let vectors = enumerate_vectors(q, n);
                for kind in [WeightKind::Hamming, WeightKind::Lee] {
                    let max_w = kind.max_symbol_distance(q) * n as u32;
                    for w in 0..=max_w {
                        let brute = vectors.iter().filter(|v| v.weight(kind) == w).count();
                        assert_eq!(
                            sphere_size(n, q, w, kind),
                            BigUint::from(brute),
                            "n={n} q={q} w={w} {kind}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn empty_sphere_is_an_error() {
        // Hamming weight 5 in length 4 is unreachable
        assert_eq!(
            sphere_size_log2(4, 3, 5, WeightKind::Hamming),
            Err(Error::EmptySphere)
        );
    }

    #[test]
    fn weight_decompositions_cover_the_sphere() {
        for q in [2u8, 3, 5] {
            for kind in [WeightKind::Hamming, WeightKind::Lee] {
                let n = 5;
                for w in 0..=kind.max_symbol_distance(q) * n as u32 {
                    let total: BigUint = weight_decompositions(n, q, w, kind)
                        .iter()
                        .map(|d| d.multinomial())
                        .sum();
                    assert_eq!(total, sphere_size(n, q, w, kind));
                }
            }
        }
    }

    #[test]
    fn matrix_solve_finds_solutions_and_kernel() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for q in [2u8, 3, 5] {
            for _ in 0..20 {
                let rows = rng.gen_range(1..5);
                let cols = rng.gen_range(rows..8);
                let h = FieldMatrix::random(q, rows, cols, &mut rng);
                let x = FieldVector::random(q, cols, &mut rng);
                let s = h.mul_vector(&x).unwrap();
                let (particular, kernel) = h.solve(&s).unwrap();
                let p = particular.expect("solvable by construction");
                assert_eq!(h.mul_vector(&p).unwrap(), s);
                let zero = FieldVector::zero(q, rows);
                for b in &kernel {
                    assert_eq!(h.mul_vector(b).unwrap(), zero);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(q in prop::sample::select(vec![2u8, 3, 5, 7, 13]),
                             seed in any::<u64>(), n in 1usize..24) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let a = FieldVector::random(q, n, &mut rng);
            let b = FieldVector::random(q, n, &mut rng);
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(sum.sub(&b).unwrap(), a.clone());
            prop_assert!(sum.entries().iter().all(|&e| e < q));
        }

        #[test]
        fn permutation_weight_invariance(seed in any::<u64>(), n in 1usize..24) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let v = FieldVector::random(7, n, &mut rng);
            let p = Permutation::random(n, &mut rng);
            let pv = p.apply(&v).unwrap();
            prop_assert_eq!(pv.weight(WeightKind::Hamming), v.weight(WeightKind::Hamming));
            prop_assert_eq!(pv.weight(WeightKind::Lee), v.weight(WeightKind::Lee));
            prop_assert_eq!(pv.decompose(), v.decompose());
        }

        #[test]
        fn permutation_compose_inverse_is_identity(seed in any::<u64>(), n in 1usize..40) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let p = Permutation::random(n, &mut rng);
            prop_assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(n));
            prop_assert_eq!(p.inverse().compose(&p).unwrap(), Permutation::identity(n));
        }
    }
}
