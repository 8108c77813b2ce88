//! Exact integer and modular arithmetic: factorization, multiplicative
//! functions, modular inverses, and complete square-root solution sets
//! modulo prime powers and composites.

use num_rational::Ratio;

use crate::{Error, Result};

/// Exact rational values (σ(r) and friends).
pub type Rational = Ratio<u64>;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, correct for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as sorted (prime, exponent) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// The integer this factorization reconstructs.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// Number of distinct prime divisors ω.
    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// Euler totient φ, multiplicative with φ(p^e) = p^e − p^(e−1).
    pub fn phi(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * (p.pow(e) - p.pow(e - 1)))
    }

    /// All positive divisors, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let prev = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(prev.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Möbius function of the factored integer.
    pub fn mobius(&self) -> i32 {
        if self.pairs.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.pairs.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Factor n by trial division, with a Miller–Rabin check that stops the
/// scan as soon as the remaining cofactor is prime. factorize(1) is empty.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d = 5u64;
    while rest > 1 {
        if is_prime(rest) {
            pairs.push((rest, 1));
            break;
        }
        while d as u128 * d as u128 <= rest as u128 {
            if rest % d == 0 {
                break;
            }
            d += if d % 6 == 5 { 2 } else { 4 };
        }
        push(d, &mut rest);
    }
    Factorization { pairs }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).phi()
}

pub fn omega(n: u64) -> u32 {
    factorize(n).omega()
}

pub fn divisors(n: u64) -> Vec<u64> {
    factorize(n).divisors()
}

pub fn mobius(n: u64) -> i32 {
    factorize(n).mobius()
}

/// Multiplicative inverse of a mod m, in [0, m).
pub fn mod_inverse(a: u64, m: u64) -> Result<u64> {
    if m == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    Ok(old_s.rem_euclid(m as i128) as u64)
}

/// Tonelli–Shanks: one square root of a unit a mod an odd prime p, or None
/// when a is a nonresidue.
fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    debug_assert!(p % 2 == 1 && a % p != 0);
    let a = a % p;
    if p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    // p ≡ 1 mod 4: write p−1 = q·2^s, find a nonresidue, descend.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut nonres = 2u64;
    while mod_pow(nonres, (p - 1) / 2, p) != p - 1 {
        nonres += 1;
    }
    let mut m = s;
    let mut c = mod_pow(nonres, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

/// Roots of x² ≡ a (mod p^e) for a unit a and odd p: Tonelli–Shanks mod p
/// followed by Hensel lifting one power at a time. Returns 0 or 2 roots.
fn unit_sqrt_odd_prime_power(a: u64, p: u64, e: u32) -> Vec<u64> {
    let pe = p.pow(e);
    let a = a % pe;
    let Some(mut x) = tonelli_shanks(a % p, p) else {
        return vec![];
    };
    let mut pk = p;
    for _ in 1..e {
        let pk1 = pk * p;
        // x_new = x − (x²−a)·(2x)^{-1} mod pk1; 2x is a unit mod p.
        let fx = (x as u128 * x as u128 % pk1 as u128 + (pk1 - a % pk1) as u128) % pk1 as u128;
        let inv2x = mod_inverse(2 * x % pk1, pk1).expect("2x unit mod odd prime power");
        let delta = mod_mul(fx as u64, inv2x, pk1);
        x = (x + pk1 - delta) % pk1;
        pk = pk1;
    }
    let other = pe - x;
    let mut roots = vec![x, other];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Roots of x² ≡ a (mod 2^e) for odd a: explicit sets for e ≤ 3, then the
/// two-preimage Hensel branch for e ≥ 4. Returns 0, 1, 2, or 4 roots.
fn unit_sqrt_power_of_two(a: u64, e: u32) -> Vec<u64> {
    let m = 1u64 << e;
    let a = a % m;
    debug_assert!(a % 2 == 1);
    match e {
        1 => vec![1],
        2 => {
            if a % 4 == 1 {
                vec![1, 3]
            } else {
                vec![]
            }
        }
        _ => {
            if a % 8 != 1 {
                return vec![];
            }
            // Lift a root from mod 2^j to mod 2^(j+1): either x already
            // works or x + 2^(j−1) does.
            let mut x = 1u64;
            for j in 3..e {
                let mj1 = 1u64 << (j + 1);
                if (x as u128 * x as u128 % mj1 as u128) as u64 != a % mj1 {
                    x += 1u64 << (j - 1);
                }
            }
            let half = 1u64 << (e - 1);
            let mut roots = vec![x % m, (m - x) % m, (x + half) % m, (m + half - x) % m];
            roots.sort_unstable();
            roots.dedup();
            roots
        }
    }
}

/// Complete solution set of x² ≡ a (mod p^e), including non-unit a.
fn sqrt_mod_prime_power(a: u64, p: u64, e: u32) -> Vec<u64> {
    let pe = p.pow(e);
    let a = a % pe;
    if a == 0 {
        // x² ≡ 0 mod p^e ⟺ p^⌈e/2⌉ | x.
        let step = p.pow(e.div_ceil(2));
        return (0..p.pow(e / 2)).map(|t| t * step).collect();
    }
    // Strip the square part of p from a: a = p^s·a′ with a′ a unit.
    let mut s = 0u32;
    let mut a1 = a;
    while a1 % p == 0 {
        a1 /= p;
        s += 1;
    }
    if s % 2 == 1 {
        return vec![];
    }
    let h = s / 2;
    let e1 = e - s;
    let unit_roots = if p == 2 {
        unit_sqrt_power_of_two(a1, e1)
    } else {
        unit_sqrt_odd_prime_power(a1, p, e1)
    };
    // x = p^h·(y + t·p^{e−s}) for t in [0, p^h); distinct mod p^e.
    let ph = p.pow(h);
    let pe1 = p.pow(e1);
    let mut roots = Vec::with_capacity(unit_roots.len() * ph as usize);
    for y in unit_roots {
        for t in 0..ph {
            roots.push((ph as u128 * (y as u128 + t as u128 * pe1 as u128) % pe as u128) as u64);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    // Moduli coprime by construction.
    let inv = mod_inverse(m1 % m2, m2).expect("crt moduli coprime");
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u64;
    let k = mod_mul(diff, inv, m2);
    r1 + m1 * k
}

/// All x in [0, k) with x² ≡ a (mod k), sorted. Empty list means no
/// solution; k = 1 yields [0].
pub fn sqrt_solutions_mod(a: i64, k: u64) -> Vec<u64> {
    assert!(k >= 1);
    let a = a.rem_euclid(k as i64) as u64;
    if k == 1 {
        return vec![0];
    }
    let mut sols: Vec<u64> = vec![0];
    let mut modulus = 1u64;
    for (p, e) in factorize(k).pairs {
        let pe = p.pow(e);
        let local = sqrt_mod_prime_power(a % pe, p, e);
        if local.is_empty() {
            return vec![];
        }
        let mut next = Vec::with_capacity(sols.len() * local.len());
        for &r1 in &sols {
            for &r2 in &local {
                next.push(crt_pair(r1, modulus, r2, pe));
            }
        }
        sols = next;
        modulus *= pe;
    }
    sols.sort_unstable();
    sols
}

/// The minimal multiplier structure of §4 of the square-moduli analysis:
/// t divides a square q₁² exactly when f_t divides q₁, and g_t = f_t²/t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareDivisorPair {
    pub t: u64,
    pub f: u64,
    pub g: u64,
}

/// f_t = ∏ p^(u_i/2) with u_i the exponent of p in t rounded up to even.
pub fn square_divisor_pair(t: u64) -> SquareDivisorPair {
    let mut f = 1u64;
    for (p, v) in factorize(t).pairs {
        let u = if v % 2 == 0 { v } else { v + 1 };
        f *= p.pow(u / 2);
    }
    SquareDivisorPair { t, f, g: f * f / t }
}

/// σ(r) = Σ_{t|r} 1/f_t as an exact rational. Multiplicative, and bounded
/// by (r/φ(r))².
pub fn sigma_r(r: u64) -> Rational {
    divisors(r)
        .into_iter()
        .map(|t| Rational::new(1, square_divisor_pair(t).f))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sqrt(a: u64, k: u64) -> Vec<u64> {
        (0..k).filter(|&x| (x * x) % k == a % k).collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).pairs, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).pairs, vec![]);
        assert_eq!(factorize(9991).pairs, vec![(97, 1), (103, 1)]);
    }

    #[test]
    fn factorize_reconstructs() {
        for n in 1..2000u64 {
            let f = factorize(n);
            assert_eq!(f.value(), n);
            assert!(f.pairs.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.pairs.iter().all(|&(p, _)| is_prime(p)));
        }
        // A large semiprime exercises the Miller–Rabin cutoff.
        let f = factorize(1_000_003 * 1_000_033);
        assert_eq!(f.pairs, vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn multiplicative_functions() {
        assert_eq!(euler_phi(10), 4);
        assert_eq!(omega(12), 2);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        // Brute-force φ oracle.
        for n in 1..500u64 {
            let brute = (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "phi({n})");
        }
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 1).unwrap(), 0);
        assert_eq!(mod_inverse(10, 17).unwrap(), 12);
        assert!(mod_inverse(6, 9).is_err());
        // Brute-force oracle.
        for m in 1..60u64 {
            for a in 0..m {
                match mod_inverse(a, m) {
                    Ok(x) => {
                        assert!(x < m.max(1));
                        assert_eq!((x as u128 * a as u128).rem_euclid(m as u128), 1 % m as u128);
                    }
                    Err(_) => assert!(gcd(a, m) > 1),
                }
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_solutions_mod(1, 8), vec![1, 3, 5, 7]);
        assert_eq!(sqrt_solutions_mod(2, 7), vec![3, 4]);
        assert_eq!(sqrt_solutions_mod(0, 1), vec![0]);
        assert_eq!(sqrt_solutions_mod(3, 5), Vec::<u64>::new());
    }

    #[test]
    fn sqrt_matches_brute_force() {
        for k in 1..=160u64 {
            for a in 0..k {
                assert_eq!(
                    sqrt_solutions_mod(a as i64, k),
                    brute_sqrt(a, k),
                    "x^2 = {a} mod {k}"
                );
            }
        }
        // Negative inputs reduce mod k.
        assert_eq!(sqrt_solutions_mod(-3, 7), sqrt_solutions_mod(4, 7));
    }

    #[test]
    fn sqrt_solution_caps_on_prime_powers() {
        for k in 2..=512u64 {
            let f = factorize(k);
            if f.pairs.len() != 1 {
                continue;
            }
            let p = f.pairs[0].0;
            let cap = if p == 2 { 4 } else { 2 };
            for a in 0..k {
                if gcd(a, k) == 1 {
                    assert!(sqrt_solutions_mod(a as i64, k).len() <= cap, "a={a} k={k}");
                }
            }
        }
    }

    #[test]
    fn square_divisor_pair_examples() {
        assert_eq!(square_divisor_pair(1), SquareDivisorPair { t: 1, f: 1, g: 1 });
        assert_eq!(square_divisor_pair(12), SquareDivisorPair { t: 12, f: 6, g: 3 });
        assert_eq!(square_divisor_pair(8), SquareDivisorPair { t: 8, f: 4, g: 2 });
    }

    #[test]
    fn square_divisor_pair_characterizes_divisibility() {
        for t in 1..=1000u64 {
            let sd = square_divisor_pair(t);
            assert_eq!(sd.f * sd.f, t * sd.g);
            for q1 in 1..=1000u64 {
                let divides = (q1 * q1) % t == 0;
                assert_eq!(divides, q1 % sd.f == 0, "t={t} q1={q1}");
            }
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_r(1), Rational::new(1, 1));
        assert_eq!(sigma_r(4), Rational::new(2, 1));
        // σ(6) = σ(2)·σ(3) = (3/2)(4/3); brute sum 1 + 1/2 + 1/3 + 1/6 = 2.
        assert_eq!(sigma_r(6), Rational::new(2, 1));
        assert_eq!(sigma_r(2) * sigma_r(3), sigma_r(6));
    }

    #[test]
    fn sigma_multiplicative_on_coprime_pairs() {
        for r1 in 1..=100u64 {
            for r2 in 1..=100u64 {
                if gcd(r1, r2) == 1 {
                    assert_eq!(sigma_r(r1) * sigma_r(r2), sigma_r(r1 * r2));
                }
            }
        }
    }

    #[test]
    fn sigma_bounded_by_phi_ratio_squared() {
        for r in 1..=10_000u64 {
            let phi = euler_phi(r);
            // σ(r) ≤ (r/φ(r))² ⟺ σ·φ² ≤ r².
            let lhs = sigma_r(r) * Rational::new(phi * phi, 1);
            assert!(lhs <= Rational::new(r * r, 1), "r={r}");
        }
    }
}
