/// Divisors of `n` in increasing order. `n` must be positive.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of nonpositive number");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Sum of divisors of `n`.
pub fn sigma1(n: u64) -> u64 {
    divisors(n).iter().sum()
}

/// Sum of `n/k` over the odd divisors `k` of `n`; equivalently the sum
/// of divisors `d` of `n` with `n/d` odd.
pub fn sigma1_tilde(n: u64) -> u64 {
    divisors(n)
        .iter()
        .filter(|&&k| k % 2 == 1)
        .map(|&k| n / k)
        .sum()
}

/// Factorial as `u64`; panics on overflow (inputs here are tiny).
pub fn factorial(n: u64) -> u64 {
    (1..=n).fold(1u64, |acc, k| {
        acc.checked_mul(k).expect("factorial overflow")
    })
}
