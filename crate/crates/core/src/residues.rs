//! Quadratic residues modulo primes and the distance `f(p)` from `p` to its
//! largest quadratic residue (OEIS A088192).

use std::collections::BTreeSet;
use std::io::{self, Write};

use thiserror::Error;

use crate::primes::{first_primes, is_prime, pow_mod, primes_up_to};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{n} is divisible by {p}; residues are taken in 1..p")]
    ZeroResidue { n: u64, p: u64 },
    #[error("congruence class mod {m} needs an odd prime, got {p}")]
    EvenPrime { p: u64, m: u64 },
    #[error("unsupported modulus {0}; use 4 or 8")]
    Modulus(u64),
}

/// The quadratic residues of a prime, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl ResidueSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn contains(&self, n: u64) -> bool {
        self.residues.binary_search(&n).is_ok()
    }

    pub fn max(&self) -> u64 {
        self.residues.last().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Whether `x² ≡ n (mod p)` is soluble, by Euler's criterion for odd `p`.
/// `n` is reduced first and must not vanish mod `p`. Primality of `p` is the caller's concern.
pub fn is_qr(n: u64, p: u64) -> Result<bool, ResidueError> {
    let r = n % p;
    if r == 0 {
        return Err(ResidueError::ZeroResidue { n, p });
    }
    if p == 2 {
        return Ok(true);
    }
    Ok(pow_mod(r, (p - 1) / 2, p) == 1)
}

/// `{ x² mod p : 1 <= x < p }` by direct squaring.
pub fn residue_set(p: u64) -> Result<ResidueSet, ResidueError> {
    if !is_prime(p) {
        return Err(ResidueError::NotPrime(p));
    }
    let residues: BTreeSet<u64> = (1..p).map(|x| ((x as u128 * x as u128) % p as u128) as u64).collect();
    Ok(ResidueSet {
        modulus: p,
        residues: residues.into_iter().collect(),
    })
}

/// `0` for `n <= 1` and composites; for a prime, `n` minus its largest quadratic residue.
pub fn f(n: u64) -> u64 {
    if !is_prime(n) {
        return 0;
    }
    f_prime(n)
}

/// `f` on a known prime: scan down from `p - 1` until Euler's criterion accepts.
fn f_prime(p: u64) -> u64 {
    (1..p)
        .rev()
        .find(|&n| is_qr(n, p).expect("0 < n < p"))
        .map_or(0, |largest| p - largest)
}

fn argmax_f(primes: impl IntoIterator<Item = u64>) -> Option<(u64, u64)> {
    let mut best: Option<(u64, u64)> = None;
    for p in primes {
        let v = f_prime(p);
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((p, v));
        }
    }
    best
}

/// The prime below `bound` with the largest `f`, smallest prime on ties, as `(p, f(p))`.
pub fn max_f_below(bound: u64) -> Option<(u64, u64)> {
    argmax_f(primes_up_to(bound.saturating_sub(1)))
}

/// Like [`max_f_below`], over the first `count` primes. This is the range an
/// A088192 table of `count` terms covers.
pub fn max_f_first_primes(count: usize) -> Option<(u64, u64)> {
    argmax_f(first_primes(count))
}

/// Smallest prime `p <= bound` with `p > max(set)` for which every member of
/// `set` is a quadratic residue.
pub fn witness_prime_for_qr_set(set: &BTreeSet<u64>, bound: u64) -> Option<u64> {
    let &largest = set.last()?;
    if set.contains(&0) {
        return None;
    }
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| p > largest)
        .find(|&p| set.iter().all(|&a| is_qr(a, p).unwrap_or(false)))
}

/// `p mod m` for `m` in {4, 8}; `p` must be odd.
pub fn congruence_class(p: u64, m: u64) -> Result<u64, ResidueError> {
    if m != 4 && m != 8 {
        return Err(ResidueError::Modulus(m));
    }
    if p.is_multiple_of(2) {
        return Err(ResidueError::EvenPrime { p, m });
    }
    Ok(p % m)
}

/// Writes `n f(n)` lines for `n` in `start..=end`, one per line, as in an OEIS b-file.
pub fn write_bfile<W: Write>(mut out: W, start: u64, end: u64) -> io::Result<()> {
    for n in start..=end {
        writeln!(out, "{} {}", n, f(n))?;
    }
    Ok(())
}

/// Writes `n a(n)` lines with `a(n) = f(prime(n))`, the indexing of the A088192 b-file.
pub fn write_bfile_by_prime_index<W: Write>(mut out: W, start: u64, end: u64) -> io::Result<()> {
    if start > end {
        return Ok(());
    }
    let primes = first_primes(end as usize);
    for n in start.max(1)..=end {
        writeln!(out, "{} {}", n, f_prime(primes[n as usize - 1]))?;
    }
    Ok(())
}
