//! Integer number theory used by square-class reduction and Hilbert symbols.
//!
//! Factorization is trial division by every prime below 10⁶, followed by a
//! Miller–Rabin test and Brent's variant of Pollard rho on whatever cofactor
//! survives. The rho stage has a fixed iteration budget; exhausting it is an
//! error rather than a hang.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;
const RHO_BUDGET: u64 = 1 << 22;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i as u32).collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol (a/p) for an odd prime p, as -1, 0 or 1.
pub fn legendre_u64(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol of an arbitrary integer modulo an odd prime.
pub fn legendre_big(a: &BigInt, p: &BigUint) -> i32 {
    let pi = BigInt::from(p.clone());
    let r = a.mod_floor(&pi).to_biguint().unwrap_or_default();
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Strong probable-prime test with the first twelve prime bases. This is
/// deterministic below 3.3·10²⁴ and overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding Pollard rho. Returns a nontrivial factor or `None`
/// once `budget` iterations have been spent.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let m: u64 = 128;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += steps;
                if *budget == 0 && g == one {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        out.push((p, e));
    }
}

fn factor_large(n: BigUint, out: &mut Vec<(BigUint, u32)>, budget: &mut u64) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    let limit = BigUint::from(TRIAL_LIMIT as u64 * TRIAL_LIMIT as u64);
    if n < limit || is_probable_prime(&n) {
        push_factor(out, n, 1);
        return Ok(());
    }
    let root = n.sqrt();
    if &root * &root == n {
        let mut inner = Vec::new();
        factor_large(root, &mut inner, budget)?;
        for (p, e) in inner {
            push_factor(out, p, 2 * e);
        }
        return Ok(());
    }
    match pollard_brent(&n, budget) {
        Some(d) => {
            let other = &n / &d;
            factor_large(d, out, budget)?;
            factor_large(other, out, budget)
        }
        None => Err(Error::FactorizationBudget(format!("{} ({} bits)", n, n.bits()))),
    }
}

/// Prime factorization of a positive integer, sorted by prime.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    let mut budget = RHO_BUDGET;
    factor_large(rest, &mut out, &mut budget)?;
    out.sort();
    Ok(out)
}

/// Signed squarefree part: the unique squarefree s with n = s·k².
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut s = BigInt::one();
    for (p, e) in factorize(n.magnitude())? {
        if e % 2 == 1 {
            s *= BigInt::from(p);
        }
    }
    if n.sign() == Sign::Minus {
        s = -s;
    }
    Ok(s)
}

/// Exact integer square root of a nonnegative integer, if it exists.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn factor_with_large_cofactors() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let n = &p * &q * &q * BigUint::from(12u32);
        let f = factorize(&n).unwrap();
        assert_eq!(f, vec![(BigUint::from(2u32), 2), (BigUint::from(3u32), 1), (q.clone(), 2), (p.clone(), 1)]);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&BigInt::from(18)).unwrap(), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(-4)).unwrap(), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(1296)).unwrap(), BigInt::from(1));
    }
}
