//! Divisor counting, odd-divisor counting, Euler's totient and
//! congruence-restricted divisor counts over a smallest-prime-factor sieve.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{precondition, Error, Result};

/// Linear sieve of smallest prime factors for `1..=limit`.
#[derive(Debug, Clone)]
pub struct DivisorSieve {
    spf: Vec<u32>,
}

impl DivisorSieve {
    pub fn new(limit: u32) -> Self {
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        if n >= 1 {
            spf[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let lpf = spf[i];
            for &p in primes
                .iter()
                .take_while(|&&p| p <= lpf && (p as usize) * i <= n)
            {
                spf[p as usize * i] = p;
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n == 0 {
            return precondition("arithmetic functions need n >= 1");
        }
        if n > self.limit() {
            return Err(Error::OutOfRange {
                value: n,
                limit: self.limit(),
            });
        }
        Ok(n as usize)
    }

    pub fn spf(&self, n: u64) -> Result<u64> {
        Ok(self.spf[self.check(n)?] as u64)
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        let i = self.check(n)?;
        Ok(i >= 2 && self.spf[i] as usize == i)
    }

    /// Prime factorization as `(p, e)` pairs with ascending `p`.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        let mut m = self.check(n)?;
        let mut out: Vec<(u64, u32)> = Vec::new();
        while m > 1 {
            let p = self.spf[m] as u64;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            m /= p as usize;
        }
        Ok(out)
    }

    /// All positive divisors, unordered.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n)? {
            let base = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..base {
                    divs.push(divs[i] * pk);
                }
            }
        }
        Ok(divs)
    }

    pub fn tau(&self, n: u64) -> Result<u64> {
        Ok(self
            .factorize(n)?
            .iter()
            .map(|&(_, e)| e as u64 + 1)
            .product())
    }

    pub fn tau_odd(&self, n: u64) -> Result<u64> {
        Ok(self
            .factorize(n)?
            .iter()
            .filter(|&&(p, _)| p != 2)
            .map(|&(_, e)| e as u64 + 1)
            .product())
    }

    pub fn totient(&self, n: u64) -> Result<u64> {
        Ok(self
            .factorize(n)?
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product())
    }

    /// `D_m(n)`: divisors `d > 1` of `n` with `d ≡ 1 (mod m)`.
    pub fn d_congruent(&self, m: u64, n: u64) -> Result<u64> {
        if m == 0 {
            return precondition("modulus must be >= 1");
        }
        // Any qualifying d > 1 is at least m + 1.
        if n <= m {
            self.check(n)?;
            return Ok(0);
        }
        Ok(self
            .divisors(n)?
            .into_iter()
            .filter(|&d| d > 1 && d % m == 1 % m)
            .count() as u64)
    }
}

/// Solutions `(q, r)` of `2^(q-1) - 3^r = 1` with `2 <= q <= q_max` and
/// `1 <= r <= r_max`.
pub fn catalan_case_scan(q_max: u32, r_max: u32) -> Result<Vec<(u32, u32)>> {
    if q_max < 2 || r_max < 1 {
        return precondition("scan needs q_max >= 2 and r_max >= 1");
    }
    let three_pows: Vec<BigUint> = (1..=r_max)
        .scan(BigUint::one(), |acc, _| {
            *acc *= 3u32;
            Some(acc.clone())
        })
        .collect();
    let mut out = Vec::new();
    for q in 2..=q_max {
        let lhs = BigUint::one() << (q - 1) as usize;
        for (idx, pow) in three_pows.iter().enumerate() {
            if pow >= &lhs {
                break;
            }
            if &lhs - pow == BigUint::one() {
                out.push((q, idx as u32 + 1));
            }
        }
    }
    Ok(out)
}
