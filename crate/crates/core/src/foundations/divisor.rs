use num_complex::Complex64;

/// Divisor power sum σ_{-z}(n) = Σ_{d | n} d^{-z}.
pub fn sigma_divisor(n: u64, z: Complex64) -> Complex64 {
    assert!(n > 0, "sigma_divisor needs n ≥ 1");
    let pow = |d: u64| (-z * (d as f64).ln()).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            sum += pow(d);
            let e = n / d;
            if e != d {
                sum += pow(e);
            }
        }
        d += 1;
    }
    sum
}

/// Number of divisors d(n) = σ_0(n).
pub fn divisor_count(n: u64) -> u64 {
    assert!(n > 0, "divisor_count needs n ≥ 1");
    let mut count = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}
