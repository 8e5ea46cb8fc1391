//! The two hard problems underlying the schemes: syndrome decoding (SD) and
//! the permuted kernel problem (PKP). Provides planted-instance generation,
//! exhaustive solvers usable as test oracles at small sizes, and the
//! decomposition-based reduction from SD to PKP.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::algebra::{
    weight_decompositions, FieldMatrix, FieldVector, Permutation, WeightKind,
};
use crate::error::Error;

/// Cap on the search-space size of the exhaustive solvers (`2^24`).
pub const BRUTE_FORCE_LOG2_CAP: u32 = 24;

/// Default retry budget for rejection sampling on a weight sphere.
pub const DEFAULT_SPHERE_RETRY_CAP: u64 = 1_000_000;

/// Syndrome decoding instance: find `e` with `H e = s` and `wt(e) = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdInstance {
    pub h: FieldMatrix,
    pub s: FieldVector,
    pub w: u32,
    pub kind: WeightKind,
}

impl SdInstance {
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.h.cols() - self.h.rows()
    }

    pub fn q(&self) -> u8 {
        self.h.q()
    }

    /// Checks whether `e` solves this instance.
    pub fn is_solution(&self, e: &FieldVector) -> bool {
        e.len() == self.n()
            && e.weight(self.kind) == self.w
            && self.h.mul_vector(e).map(|he| he == self.s).unwrap_or(false)
    }
}

/// Permuted kernel instance: find a permutation `p` with `H p(v) = s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PkpInstance {
    pub h: FieldMatrix,
    pub s: FieldVector,
    pub v: FieldVector,
}

impl PkpInstance {
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Checks whether `p` solves this instance.
    pub fn is_solution(&self, p: &Permutation) -> bool {
        p.len() == self.n()
            && p.apply(&self.v)
                .and_then(|pv| self.h.mul_vector(&pv))
                .map(|hpv| hpv == self.s)
                .unwrap_or(false)
    }
}

/// A planted SD instance together with the secret solution.
#[derive(Debug, Clone)]
pub struct SdKeyPair {
    pub instance: SdInstance,
    pub secret: FieldVector,
}

/// Uniform sample from the weight-`w` sphere.
///
/// Hamming: sample a `w`-subset of positions, then nonzero values, which is
/// exactly uniform. Lee: rejection-sample uniform vectors until the weight
/// hits `w`, bounded by `retry_cap` draws.
pub fn sample_on_sphere_with_cap<R: Rng + ?Sized>(
    n: usize,
    q: u8,
    w: u32,
    kind: WeightKind,
    rng: &mut R,
    retry_cap: u64,
) -> Result<FieldVector, Error> {
    if crate::algebra::sphere_size(n, q, w, kind) == num_traits::Zero::zero() {
        return Err(Error::EmptySphere);
    }
    match kind {
        WeightKind::Hamming => {
            let mut positions: Vec<usize> = (0..n).collect();
            for i in 0..w as usize {
                let j = rng.gen_range(i..n);
                positions.swap(i, j);
            }
            let mut entries = vec![0u8; n];
            for &p in &positions[..w as usize] {
                entries[p] = rng.gen_range(1..q);
            }
            FieldVector::new(q, entries)
        }
        WeightKind::Lee => {
            for _ in 0..retry_cap {
                let v = FieldVector::random(q, n, rng);
                if v.weight(kind) == w {
                    return Ok(v);
                }
            }
            Err(Error::RetryCapExceeded { cap: retry_cap })
        }
    }
}

/// [`sample_on_sphere_with_cap`] with the default retry budget.
pub fn sample_on_sphere<R: Rng + ?Sized>(
    n: usize,
    q: u8,
    w: u32,
    kind: WeightKind,
    rng: &mut R,
) -> Result<FieldVector, Error> {
    sample_on_sphere_with_cap(n, q, w, kind, rng, DEFAULT_SPHERE_RETRY_CAP)
}

/// Samples a planted SD instance: uniform `H`, uniform `e` on the weight-`w`
/// sphere, `s = H e`.
pub fn sample_sd<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    w: u32,
    q: u8,
    kind: WeightKind,
    rng: &mut R,
) -> Result<SdKeyPair, Error> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 < k < n, got k={k}, n={n}"
        )));
    }
    let e = sample_on_sphere(n, q, w, kind, rng)?;
    let h = FieldMatrix::random(q, n - k, n, rng);
    let s = h.mul_vector(&e)?;
    Ok(SdKeyPair {
        instance: SdInstance { h, s, w, kind },
        secret: e,
    })
}

/// Samples a planted PKP instance: uniform `H`, uniform secret permutation
/// `p`, syndrome `s = H p(v)`.
pub fn sample_pkp<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    q: u8,
    v: &FieldVector,
    rng: &mut R,
) -> Result<(PkpInstance, Permutation), Error> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 < k < n, got k={k}, n={n}"
        )));
    }
    if v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: v.len(),
        });
    }
    let h = FieldMatrix::random(q, n - k, n, rng);
    let p = Permutation::random(n, rng);
    let s = h.mul_vector(&p.apply(v)?)?;
    Ok((
        PkpInstance {
            h,
            s,
            v: v.clone(),
        },
        p,
    ))
}

/// Exhaustive SD solver; returns the lexicographically first solution.
///
/// Guarded by `q^n <= 2^24`; test oracle, not an attack.
pub fn brute_force_sd(inst: &SdInstance) -> Result<Option<FieldVector>, Error> {
    let n = inst.n();
    let q = inst.q();
    let log2_size = (n as f64 * (q as f64).log2()).ceil() as u32;
    if log2_size > BRUTE_FORCE_LOG2_CAP {
        return Err(Error::InstanceTooLarge {
            log2_size,
            log2_cap: BRUTE_FORCE_LOG2_CAP,
        });
    }
    let mut entries = vec![0u8; n];
    loop {
        let e = FieldVector::new(q, entries.clone())?;
        if e.weight(inst.kind) == inst.w && inst.h.mul_vector(&e)? == inst.s {
            return Ok(Some(e));
        }
        // odometer increment in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if entries[i] + 1 < q {
                entries[i] += 1;
                for e in &mut entries[i + 1..] {
                    *e = 0;
                }
                break;
            }
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

/// Exhaustive PKP solver; returns the lexicographically first solving
/// permutation. Guarded by `n! <= 2^24` (n <= 10).
pub fn brute_force_pkp(inst: &PkpInstance) -> Result<Option<Permutation>, Error> {
    let n = inst.n();
    let size = factorial(n);
    let log2_size = size.bits().saturating_sub(1) as u32;
    if size > (BigUint::one() << BRUTE_FORCE_LOG2_CAP) {
        return Err(Error::InstanceTooLarge {
            log2_size,
            log2_cap: BRUTE_FORCE_LOG2_CAP,
        });
    }
    let mut mapping: Vec<usize> = (0..n).collect();
    loop {
        let p = Permutation::new(mapping.clone())?;
        if inst.is_solution(&p) {
            return Ok(Some(p));
        }
        if !next_permutation(&mut mapping) {
            return Ok(None);
        }
    }
}

/// Steps `mapping` to its lexicographic successor; false when exhausted.
fn next_permutation(mapping: &mut [usize]) -> bool {
    let n = mapping.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| mapping[i] < mapping[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| mapping[j] > mapping[i]).unwrap();
    mapping.swap(i, j);
    mapping[i + 1..].reverse();
    true
}

/// Reduces an SD instance to a PKP instance over the same `(H, s)`.
///
/// The pattern vector is the sorted vector of the decomposition that
/// maximizes the multinomial coefficient over all weight-`w` decompositions
/// (ties broken toward the lexicographically smallest decomposition). Any
/// solution `p` of the output yields the SD solution `p(v)`.
pub fn reduce_sd_to_pkp(inst: &SdInstance) -> Result<PkpInstance, Error> {
    let candidates = weight_decompositions(inst.n(), inst.q(), inst.w, inst.kind);
    // lexicographic enumeration order makes `max_by` keep the last maximum,
    // so compare with `<=` flipped: take the first maximal element instead.
    let best = candidates
        .iter()
        .max_by(|a, b| {
            a.multinomial()
                .cmp(&b.multinomial())
                // prefer lexicographically smaller on ties
                .then_with(|| b.cmp(a))
        })
        .ok_or(Error::EmptySphere)?;
    Ok(PkpInstance {
        h: inst.h.clone(),
        s: inst.s.clone(),
        v: best.canonical_vector(),
    })
}

/// `1 / binom(n+q-1, q-1)`: the reduction's success-probability lower bound.
pub fn reduction_success_lower_bound(n: usize, q: u8) -> f64 {
    let mut denom = BigUint::one();
    for j in 1..=u64::from(q) - 1 {
        denom = denom * BigUint::from(n as u64 + u64::from(q) - 1 - (u64::from(q) - 1) + j)
            / BigUint::from(j);
    }
    1.0 / denom.to_f64().unwrap_or(f64::MAX)
}
