//! Binomial and multinomial coefficients modulo p via Lucas' theorem.

fn small_binomial(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let p64 = p as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 0..k {
        num = num * ((n - t) % p64) % p64;
        den = den * ((t + 1) % p64) % p64;
    }
    // den is a product of residues 1..k < p, hence invertible.
    let mut inv = 1u64;
    let mut base = den;
    let mut e = p64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p64;
        }
        base = base * base % p64;
        e >>= 1;
    }
    (num * inv % p64) as u32
}

/// `C(n, k) mod p`, computed digit by digit in base `p`.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p64, k % p64);
        if kd > nd {
            return 0;
        }
        acc = acc * small_binomial(nd, kd, p) as u64 % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

/// `(Σ parts)! / Π parts! mod p`, as a product of binomials.
pub fn multinomial_mod(parts: &[u64], p: u32) -> u32 {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &k in parts {
        total += k;
        acc = acc * binomial_mod(total, k, p) as u64 % p as u64;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: u64, k: u64, p: u32) -> u32 {
        // Pascal's triangle mod p.
        let mut row = vec![1u32];
        for _ in 0..n {
            let mut next = vec![1u32; row.len() + 1];
            for j in 1..row.len() {
                next[j] = (row[j - 1] + row[j]) % p;
            }
            row = next;
        }
        row.get(k as usize).copied().unwrap_or(0)
    }

    #[test]
    fn lucas_matches_pascal() {
        for p in [2, 3, 5, 7] {
            for n in 0..40 {
                for k in 0..=n + 1 {
                    assert_eq!(binomial_mod(n, k, p), naive(n, k, p), "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn multinomials() {
        // 4!/(2!2!) = 6.
        assert_eq!(multinomial_mod(&[2, 2], 5), 1);
        assert_eq!(multinomial_mod(&[2, 2], 7), 6);
        // (p·m)!/(m!)^p ≡ 0 for the p-th power of a divided power.
        assert_eq!(multinomial_mod(&[3, 3, 3], 3), 0);
    }
}
